""" Test inspection of HDF5 archives """
import os
import time

import h5py
import pytest

import numpy as np

from lazytt.catalog import lollipop_s05
from lazytt.create import save_strip
from lazytt.inspect import (get_datasets, get_attrs_dset, valid_dsets, valid_file,
                            load_strip_arrays)
from lazytt.moves import split, SplitRecord
from lazytt.strips import enumerate_strip
from lazytt.track import Surface
from lazytt.utils import hdf_is_open

@pytest.fixture(scope="module")
def hdf_dataset():
    """ Setups and tears down a sample archive """
    filename = 'temp_test_inspect.h5'
    fid = h5py.File(filename, 'w')

    fid.create_dataset('base', data=np.arange(12))
    fid.create_dataset('strips/s05-a/phi', data=np.zeros((4, 12), dtype=np.int64))
    fid.create_dataset('strips/s05-a/edges', data=np.zeros((4, 4), dtype=np.int64))

    fid['base'].attrs['Attribute_str'] = 'Test'
    fid['base'].attrs['Attribute_bytes'] = b'Test'
    fid['base'].attrs['Attribute_np_bytes'] = np.bytes_('Test') # pylint: disable=no-member
    fid['base'].attrs.create('Attribute_int', 1)
    fid['base'].attrs.create('Attribute_float', 1.5)
    fid['base'].attrs.create('Attribute_np_1d', np.array([1, 2, 3]))

    yield filename, fid

    # Tear-down
    if hdf_is_open(fid):
        fid.close()

    time.sleep(1)
    try:
        os.remove(filename)
    except Exception:
        print('Could not delete {}'.format(filename))

def test_valid_file(hdf_dataset):
    """ Test whether a file is valid or not """
    filename, fid = hdf_dataset

    assert valid_file(filename, verbose=True)
    assert not valid_file('NOT_A_REAL_FILE.XYZ', verbose=True)
    assert valid_file(fid)

    with pytest.raises(TypeError):
        valid_file(1)

def test_valid_dsets(hdf_dataset):
    """ Test whether datasets exist """
    _, fid = hdf_dataset

    assert valid_dsets(fid, 'base')
    assert valid_dsets(fid, '/strips/s05-a/phi', verbose=True)
    assert valid_dsets(fid, ['base', 'strips/s05-a/edges'])
    assert not valid_dsets(fid, ['base', 'strips/s05-a/NOPE'])
    assert not valid_dsets('NOT_A_REAL_FILE.XYZ', 'base')

    with pytest.raises(TypeError):
        valid_dsets(fid, 1)

def test_get_datasets(hdf_dataset):
    """ Dataset names with and without groups """
    _, fid = hdf_dataset

    assert get_datasets(fid) == ['/base', '/strips/s05-a/edges', '/strips/s05-a/phi']
    assert get_datasets(fid, fulldsetpath=False) == ['base', 'edges', 'phi']

def test_get_attrs_dset(hdf_dataset):
    """ Attributes come back sorted and decoded """
    _, fid = hdf_dataset

    attrs = get_attrs_dset(fid, 'base')
    assert list(attrs) == sorted(attrs)
    assert attrs['Attribute_str'] == 'Test'
    assert attrs['Attribute_bytes'] == 'Test'
    assert attrs['Attribute_np_bytes'] == 'Test'
    assert attrs['Attribute_int'] == 1
    assert isinstance(attrs['Attribute_int'], int)
    assert attrs['Attribute_float'] == 1.5
    assert np.array_equal(attrs['Attribute_np_1d'], [1, 2, 3])

    raw = get_attrs_dset(fid, 'base', convert_to_str=False)
    assert raw['Attribute_np_bytes'] == b'Test'

def test_load_strip_arrays():
    """ Round trip of a saved strip """
    filename = 'temp_test_inspect_strip.h5'
    base = split(lollipop_s05(), 10, 'R')[0]
    strip = enumerate_strip(base, [SplitRecord(5, 'R'), SplitRecord(11, 'R')])
    save_strip(filename, '/lazytt/square', strip, surface=Surface(0, 5), mode='w')

    out = load_strip_arrays(filename, 'lazytt/square/')
    assert out['phi'].shape == (4, 12)
    assert np.array_equal(out['phi'], strip.phi_matrix)
    assert np.array_equal(out['edges'], strip.edge_array)
    assert np.array_equal(out['branches'], np.arange(12))
    assert out['attrs']['surface'] == 'S_{0,5}'
    assert out['attrs']['radius'] == -1
    assert out['attrs']['truncated'] == 0
    assert out['attrs']['vertices'] == 4
    assert out['attrs']['canonical'].startswith('track\n')

    time.sleep(1)
    try:
        os.remove(filename)
    except Exception:
        print('Could not delete {}'.format(filename))
