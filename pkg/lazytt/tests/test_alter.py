""" Test altering attributes of archived datasets """
import os
import time
from fractions import Fraction

import h5py
import pytest

import numpy as np

from lazytt.track import Surface
from lazytt.utils import hdf_is_open
from lazytt.alter import alter_attr, write_attr_dict

@pytest.fixture(scope="function")
def hdf_dataset():
    """ Setups and tears down a sample archive """
    filename = 'temp_test_alter.h5'
    fid = h5py.File(filename, 'w')
    fid.create_dataset('base', data=np.zeros((4, 12), dtype=np.int64))
    fid.create_dataset('strips/s05-a/phi', data=np.zeros((4, 12), dtype=np.int64))

    fid['base'].attrs['surface'] = 'S_{0,5}'
    fid['base'].attrs.create('radius', 6)

    yield filename, fid

    # Tear-down
    if hdf_is_open(fid):
        fid.close()

    time.sleep(1)
    try:
        os.remove(filename)
    except Exception:
        print('Could not delete {}'.format(filename))

def test_alter_attr_dset_object(hdf_dataset):
    """ Alter an attribute given the Dataset object """
    _, fid = hdf_dataset
    dset = fid['base']

    alter_attr(dset, 'radius', 3)
    assert dset.attrs['radius'] == 3

    alter_attr(dset, 'truncated', True)
    assert dset.attrs['truncated'] == 1

    alter_attr(dset, 'upper_squared', Fraction(5, 2))
    assert dset.attrs['upper_squared'] == '5/2'

    alter_attr(dset, 'surface', Surface(1, 2))
    assert dset.attrs['surface'] == 'S_{1,2}'

def test_alter_attr_by_name(hdf_dataset):
    """ Alter an attribute given dataset name and file """
    filename, fid = hdf_dataset

    alter_attr('base', 'radius', 4, file=fid)
    assert fid['base'].attrs['radius'] == 4

    fid.close()
    alter_attr('strips/s05-a/phi', 'radius', 2, file=filename)
    with h5py.File(filename, 'r') as check:
        assert check['strips/s05-a/phi'].attrs['radius'] == 2

def test_alter_attr_errors(hdf_dataset):
    """ Bad argument combinations """
    _, fid = hdf_dataset

    with pytest.raises(TypeError):
        alter_attr('base', 'radius', 1)

    with pytest.raises(TypeError):
        alter_attr(1, 'radius', 1, file=fid)

    with pytest.raises(KeyError):
        alter_attr(fid['base'], 'DOESNOTEXIST', 1, must_exist=True)

def test_alter_attr_verbose(hdf_dataset, capsys):
    """ Verbose printing of old and new values """
    _, fid = hdf_dataset

    alter_attr(fid['base'], 'radius', 5, verbose=True)
    alter_attr(fid['base'], 'fresh', 1, verbose=True)
    out = capsys.readouterr().out
    assert 'Dataset[radius] = 6 -> 5' in out
    assert 'Attribute fresh does not exist. Creating.' in out

def test_write_attr_dict(hdf_dataset):
    """ Write a whole attribute dictionary """
    _, fid = hdf_dataset

    attr_dict = {'vertices': 4, 'canonical': 'track\n', 'truncated': False}
    assert write_attr_dict(fid['base'], attr_dict, sort_attrs=True)
    assert fid['base'].attrs['vertices'] == 4
    assert fid['base'].attrs['canonical'] == 'track\n'
    assert fid['base'].attrs['truncated'] == 0

    write_attr_dict('strips/s05-a/phi', {'radius': 1}, fid=fid)
    assert fid['strips/s05-a/phi'].attrs['radius'] == 1
