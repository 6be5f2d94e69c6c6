""" Inspection of HDF5 archives """
import os as _os
from collections import OrderedDict as _OrderedDict

import h5py as _h5py
import numpy as _np

from .utils import (FidOrFile as _FidOrFile, hdf_is_open as _hdf_is_open,
                    fullpath as _fullpath)

__all__ = ['get_datasets', 'get_attrs_dset', 'valid_file', 'valid_dsets',
           'load_strip_arrays']


def _open(file, pth=None):
    if isinstance(file, str):
        return _FidOrFile(_fullpath(file, pth))
    return _FidOrFile(file)


def get_datasets(file, pth=None, fulldsetpath=True):
    """
    Parameters
    ----------
    file : str or h5py.File
        Filename or File-object for an open archive

    fulldsetpath : bool
        Return dataset names with their group names or not.
    """
    fof = _open(file, pth)
    fid = fof.fid

    all_items_list = []
    fid.visit(lambda x: all_items_list.append('/{}'.format(x)))
    dset_list = sorted(set(item for item in all_items_list if isinstance(fid[item], _h5py.Dataset)))

    if not fulldsetpath:
        dset_list = [dset.rsplit('/', maxsplit=1)[-1] for dset in dset_list]

    fof.close_if_file_not_fid()
    return dset_list


def get_attrs_dset(file, dset, pth=None, convert_to_str=True):
    """
    Attributes of a dataset, sorted by key.

    Parameters
    ----------
    dset : str
        Full dataset name, e.g. '/strips/s05-a/phi'

    convert_to_str : bool
        Decode bytes attributes to str.

    Returns
    -------
    OrderedDict
    """
    fof = _open(file, pth)
    ds_attrs = fof.fid[dset].attrs

    attr_list = []
    for k in sorted(ds_attrs):
        attr_val = ds_attrs[k]
        if isinstance(attr_val, (bytes, _np.bytes_)) and convert_to_str:
            attr_val = attr_val.decode()
        elif isinstance(attr_val, _np.generic):
            attr_val = attr_val.item()
        attr_list.append([k, attr_val])

    fof.close_if_file_not_fid()
    return _OrderedDict(attr_list)


def valid_file(file, pth=None, verbose=False):
    """ Whether a file exists (or, for a File-object, is open) """
    if isinstance(file, str):
        fp = _fullpath(file, pth)
        isvalid = _os.path.isfile(fp)
        if verbose:
            print('{} is {}a valid file.'.format(fp, '' if isvalid else 'not '))
    elif isinstance(file, _h5py.File):
        isvalid = _hdf_is_open(file)
    else:
        raise TypeError('file need be of type str or h5py.File object.')
    return isvalid


def _add_leading_slash(name):
    return name if name.startswith('/') else '/' + name


def valid_dsets(file, dset_list, pth=None, verbose=False):
    """ Whether one or more datasets exist """
    if not valid_file(file, pth=pth, verbose=verbose):
        return False

    if isinstance(dset_list, str):
        dset_list = [dset_list]
    elif not isinstance(dset_list, (list, tuple)):
        err_str1 = 'dset_list: {} of type {} '.format(dset_list, type(dset_list))
        err_str2 = 'is not a str, list, or tuple'
        raise TypeError(err_str1 + err_str2)

    dset_in_file = get_datasets(file, pth=pth, fulldsetpath=True)
    hits = 0
    for dset in dset_list:
        found = _add_leading_slash(dset) in dset_in_file
        hits += found
        if verbose:
            print('{} : {}'.format(_add_leading_slash(dset), 'VALID' if found else 'NOT VALID'))
    return hits == len(dset_list)


def load_strip_arrays(file, group, pth=None):
    """
    Arrays written by create.save_strip.

    Returns
    -------
    dict
        'phi' (n, q) and 'edges' (k, 4) int64 arrays, 'branches' (q,), and
        'attrs', the attribute dictionary of the phi dataset.
    """
    group = _add_leading_slash(group).rstrip('/')
    fof = _open(file, pth)
    fid = fof.fid
    out = {'phi': _np.array(fid[group + '/phi']),
           'edges': _np.array(fid[group + '/edges']),
           'branches': _np.array(fid[group + '/branches'])}
    out['attrs'] = get_attrs_dset(fid, group + '/phi')
    fof.close_if_file_not_fid()
    return out
